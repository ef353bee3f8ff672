#pragma once

namespace rlab::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitToleranceFailed = 1,
  kExitUsage = 2,
  kExitConfig = 3,
  kExitOutput = 4,
  kExitInconclusive = 5,
  kExitInternal = 6,
};

/// Entry point of the rlab executable; returns one of ExitCode.
int cli_main(int argc, char** argv);

}  // namespace rlab::harness
