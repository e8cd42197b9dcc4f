// Copyright 2026 The wbpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WBPC_REFERENCE_HPP_
#define WBPC_REFERENCE_HPP_

#include "wbpc/bitplane.hpp"
#include "wbpc/transforms.hpp"

// Straightforward serial versions of the hot kernels. They share no code
// with the optimized paths beyond the 1-D lifting and area formulas, and
// exist so tests and benchmarks can compare against them.
namespace wbpc::reference {

// Rows then columns via lift53_forward on gathered 1-D signals.
SubbandPyramid dwt2d_forward(const ChannelPlane& plane, int levels);
ChannelPlane dwt2d_inverse(const SubbandPyramid& pyramid);

// Through an explicit BitplaneCube, area_coordinate and area_to_symbol.
SymbolStream serialize_block(const CoefficientBlock& block);
CoefficientBlock deserialize_block(const SymbolStream& stream, uint32_t width,
                                   uint32_t height, BlockKind kind,
                                   unsigned depth);

}  // namespace wbpc::reference

#endif  // WBPC_REFERENCE_HPP_
