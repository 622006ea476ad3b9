/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

namespace qregsim {

inline constexpr const char* version_string = "0.1.0";

}  // namespace qregsim
