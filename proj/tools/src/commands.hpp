#pragma once

#include <iosfwd>

#include "run_config.hpp"

namespace giantscope::cli {

int cmd_simulate(RunConfig& cfg, std::ostream& log);
int cmd_exact(RunConfig& cfg, std::ostream& log);
int cmd_rates(RunConfig& cfg, std::ostream& log);
int cmd_phase(RunConfig& cfg, std::ostream& log);
int cmd_traj(RunConfig& cfg, std::ostream& log);
int cmd_critical(RunConfig& cfg, std::ostream& log);
int cmd_clt_check(RunConfig& cfg, std::ostream& log);
int cmd_beta_ldp(RunConfig& cfg, std::ostream& log);

/// Names accepted by `rates --fn`.
const char* rate_function_names();

}  // namespace giantscope::cli
