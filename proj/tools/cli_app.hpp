// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tinysnn::cli {

/// Runs one subcommand (train | eval | ptq | itq | sweep | select |
/// encode-demo) against the given arguments (without the program name).
/// Results go to `out`, diagnostics to `err`. Exit codes: 0 success,
/// 1 usage error, 2 data/config error, 3 infeasible selection.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// argv convenience wrapper writing to std::cout / std::cerr.
int run_main(int argc, char** argv);

} // namespace tinysnn::cli
