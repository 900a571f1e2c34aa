#pragma once

#include <cstddef>
#include <vector>

#include "vw/ring.hpp"

namespace vw {

enum class ChordRelations { FourT, FourTOneT };

/// Chord diagrams on the line with i chords (all 2i endpoints distinct),
/// as chord labels per position, labels in order of first appearance.
std::vector<std::vector<int>> chord_diagrams(int order);

/// Dimensions, for orders 0..order_max, of the span of chord diagrams modulo
/// the four-term relations (and the one-term relation when requested).
/// Independent of the diagram complexes.
std::vector<std::size_t> chord_space_dims(int order_max, ChordRelations rel, const Ring& field, int order_cap = 6);

}  // namespace vw
