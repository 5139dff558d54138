#pragma once

#include <cstddef>
#include <vector>

#include "dwtstego/planes.hpp"

namespace dwtstego {

// Orthonormal 2D Haar transform. For each 2x2 block [a b; c d]:
//   LL = (a+b+c+d)/2   HL = (a-b+c-d)/2
//   LH = (a+b-c-d)/2   HH = (a-b-c+d)/2
// HL carries column differences, LH row differences.

struct SubBandSet {
  Plane ll;
  Plane lh;
  Plane hl;
  Plane hh;
};

struct DetailBands {
  Plane lh;
  Plane hl;
  Plane hh;
};

/// details[0] is level 1 (finest); final_ll is the coarsest approximation.
struct MultiLevelDecomposition {
  std::vector<DetailBands> details;
  Plane final_ll;

  std::size_t levels() const noexcept { return details.size(); }
};

SubBandSet haar_forward(const Plane& p);
Plane haar_inverse(const SubBandSet& bands);

MultiLevelDecomposition decompose(const Plane& p, std::size_t levels);
Plane reconstruct(const MultiLevelDecomposition& d);

/// Whether a width x height plane can be decomposed to the given depth.
bool supports_levels(std::size_t width, std::size_t height, std::size_t levels) noexcept;

}  // namespace dwtstego
