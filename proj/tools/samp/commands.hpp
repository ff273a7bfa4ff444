#pragma once

#include "run_config.hpp"

namespace samptool {

// Subcommand bodies. Each returns a process exit code: 0 on success, 1 when
// a verification check fails its tolerance. Usage and input problems are
// thrown as samp::InputError and mapped to exit code 2 by main().
int cmd_train_fixture(const RunConfig& cfg);
int cmd_attribute(const RunConfig& cfg);
int cmd_evaluate(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

}  // namespace samptool
