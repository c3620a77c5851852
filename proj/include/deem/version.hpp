// SPDX-License-Identifier: Apache-2.0
#ifndef DEEM_VERSION_HPP
#define DEEM_VERSION_HPP

namespace deem {

inline constexpr const char* kVersion = "0.1.0";

// Identifier of the counter-based sample stream used by the Monte Carlo
// estimators; recorded in emitted outputs so results can be audited.
inline constexpr const char* kGeneratorId = "splitmix64-counter";

} // namespace deem

#endif
