#pragma once

#include <map>
#include <utility>
#include <vector>

#include "vw/lincomb.hpp"
#include "vw/relations.hpp"
#include "vw/ring.hpp"

namespace vw {

/// One point with k top asterisks, oriented t1 (a*^1 a^1) ... (a*^k a^k).
/// Z_0 is the bare generalized point.
LinComb make_Z(int k, Parity parity);
/// Points t0..tk with chords t0 -> tr, oriented t0 (a01 t1) ... (a0k tk).
LinComb make_Zhat(int k, Parity parity);
/// One point with a bottom asterisk, oriented t1 a1*.
LinComb make_star();
LinComb make_bare_point();
LinComb unit();

/// Parity of the total degree i(d-1) - j; NonHomogeneous when mixed. The
/// zero sum counts as even.
bool total_degree_odd(const LinComb& x, Parity parity);

LinComb shuffle_product(const LinComb& a, const LinComb& b, Parity parity);

/// Shuffles of the factors keeping their left-most points in order.
LinComb divided_product(const std::vector<LinComb>& factors, Parity parity);

/// A(|=)B through the Leibniz defect of the divided product under the full
/// differential, normalized onto the admissible basis.
LinComb vdash(const LinComb& a, const LinComb& b, Parity parity);

/// x^<l>. Requires x of even degree unless the ring has characteristic 2.
LinComb divided_power(const LinComb& x, int ell, Parity parity, const Ring& ring = Ring::integers());

/// <A_1, ..., A_l | D>: point r of D glued onto the left-most point of the
/// r-th factor in every term of the divided product.
LinComb bracket_over(const std::vector<LinComb>& factors, const Diagram& d, Parity parity);

struct TensorPair {
  Diagram left;
  Diagram right;
  int sign = 1;
};

/// Formal sums in a tensor square, keyed by (left, right).
using TensorComb = std::map<std::pair<Diagram, Diagram>, mpz_class>;

void add_term(TensorComb& t, const Diagram& l, const Diagram& r, const mpz_class& c);

/// Cuts of the line between points not crossed by any chord.
std::vector<TensorPair> coproduct(const Diagram& d, Parity parity);
TensorComb coproduct(const LinComb& x, Parity parity);
/// (A1 (x) A2)(B1 (x) B2) = (-1)^{|A2||B1|} A1 B1 (x) A2 B2.
TensorComb tensor_product(const TensorComb& a, const TensorComb& b, Parity parity);
/// Swap of the factors with the Koszul sign.
TensorComb twist(const TensorComb& t, Parity parity);

/// Decomposes D into the top-asterisk counts of its points, the diagram
/// without top asterisks, and the sign s with D = s <Z_k1, ..., Z_kl | D_bottom>.
struct TopDecomposition {
  std::vector<int> k;
  Diagram bottom;
  int sign = 1;
};
TopDecomposition decompose_tops(const Diagram& d, Parity parity);

/// I Z_k = sum_i Z_{k-i} |= Zhat_i, and its inverse.
LinComb iso_I_Z(int k, Parity parity);
LinComb iso_I_inv_Z(int k, Parity parity);

/// (T**, d_h) -> (T**, d); results normalized onto the admissible basis.
LinComb iso_I(const LinComb& x, Parity parity);
LinComb iso_I_inv(const LinComb& x, Parity parity);

/// Z (x) T0 -> T: <Z_k1, ..., Z_kl> (x) t maps to <Zhat_k1, ..., Zhat_kl> * t.
LinComb iso_I_hat(const LinComb& z, const LinComb& t, Parity parity);

}  // namespace vw
