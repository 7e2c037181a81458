/*
 * Copyright 2026 The sparsempc Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sparsempc/runtime.hpp"
#include "sparsempc/shamir.hpp"

namespace sparsempc {

// An associative operator on tuples of shared values, applied element-wise to
// two batches of equal length. A tuple is one entry of every column.
using PropagationOp = std::function<std::vector<ShareVector>(
    ProtocolContext&, const std::vector<ShareVector>& left, const std::vector<ShareVector>& right)>;

// Inclusive prefix combination out[k] = in[0] (+) in[1] (+) ... (+) in[k].
//
// The list is cut into leaf blocks of 4 that are scanned locally (3 operator
// applications, batched over all blocks). Block totals then go through an
// up-sweep and a down-sweep over a binary tree, and a final application adds
// each block's prefix. `identity` is a public tuple used for padding; it must
// be a right identity, and a left identity for every value the operator is
// applied to. The operator is invoked 4 + 2 * ceil(log2(blocks)) times at
// most.
std::vector<ShareVector> recursive_propagation(ProtocolContext& ctx, std::vector<ShareVector> columns,
                                               std::span<const Fp> identity, const PropagationOp& op);

// (f_a, s_a) (+) (f_b, s_b) = (f_a or f_b, s_b + (1 - f_b) * s_a).
// With f marking segment starts, the scan is a segmented running sum.
// One barrier per application.
std::vector<ShareVector> segmented_sum_op(ProtocolContext& ctx, const std::vector<ShareVector>& left,
                                          const std::vector<ShareVector>& right);

// (f_a, w_a) (+) (f_b, w_b) = (f_a or f_b, f_b ? w_b : w_a).
// With f marking segment starts, the scan copies each segment's first w to
// the whole segment. w is only meaningful where f = 1, so (0, 0) acts as an
// identity. One barrier per application.
std::vector<ShareVector> copy_from_left_op(ProtocolContext& ctx, const std::vector<ShareVector>& left,
                                           const std::vector<ShareVector>& right);

}  // namespace sparsempc
