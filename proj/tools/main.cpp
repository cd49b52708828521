// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/cli.hpp"

int main(int argc, char** argv) { return lumi::cli_main(argc, argv); }
