#pragma once
// Copyright 2026 the hubsim authors
// SPDX-License-Identifier: Apache-2.0

namespace hubsim {
inline constexpr const char* version_tag = "hubsim-0.1.0";
}
