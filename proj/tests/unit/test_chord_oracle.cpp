#include "doctest.h"
#include "vw/chord_oracle.hpp"
#include "vw/error.hpp"

using namespace vw;

TEST_CASE("chord diagrams are the perfect matchings") {
  long expect = 1;
  for (int n = 0; n <= 5; ++n) {
    if (n > 0) expect *= 2 * n - 1;
    CHECK(static_cast<long>(chord_diagrams(n).size()) == expect);
  }
}

TEST_CASE("chord space dimensions") {
  auto four = chord_space_dims(5, ChordRelations::FourT, Ring::rationals());
  auto one = chord_space_dims(5, ChordRelations::FourTOneT, Ring::rationals());
  CHECK(four == std::vector<std::size_t>{1, 1, 2, 3, 6, 10});
  CHECK(one == std::vector<std::size_t>{1, 0, 1, 1, 3, 4});
  // primitive count through the Theta-power splitting
  for (int i = 0; i <= 5; ++i) {
    std::size_t sum = 0;
    for (int k = 0; k <= i; ++k) sum += one[i - k];
    CHECK(four[i] == sum);
  }
  CHECK(chord_space_dims(4, ChordRelations::FourT, Ring::prime_field(3)) == std::vector<std::size_t>{1, 1, 2, 3, 6});
}

TEST_CASE("chord oracle errors") {
  CHECK_THROWS_AS(chord_space_dims(2, ChordRelations::FourT, Ring::integers()), FieldRequired);
  CHECK_THROWS_AS(chord_space_dims(7, ChordRelations::FourT, Ring::rationals(), 6), ResourceLimit);
}
