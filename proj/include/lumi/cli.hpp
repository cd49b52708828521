// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace lumi {

/// Entry point behind the lumimesh binary. Returns 0 on success, 1 on a
/// usage error, 2 on a data error.
int cli_main(int argc, const char* const* argv);

} // namespace lumi
