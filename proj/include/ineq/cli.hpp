#pragma once

namespace ineq {

// Entry point of the ineq-lab command line tool. Returns the process exit
// code: 0 success, 2 configuration error, 3 numerical failure.
int cli_main(int argc, char** argv);

}  // namespace ineq
