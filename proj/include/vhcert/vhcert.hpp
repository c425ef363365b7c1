#pragma once

// Umbrella header.

#include "vhcert/problem.hpp"      // equation instances and envelope constants
#include "vhcert/certify.hpp"      // decay certificates
#include "vhcert/trajectory.hpp"   // grids, sampled solutions, bound reports
#include "vhcert/solver.hpp"       // Picard and RK4 solution paths
#include "vhcert/comparison.hpp"   // differential-inequality engine
#include "vhcert/problem_io.hpp"   // problem-file parsing
#include "vhcert/report.hpp"       // report and CSV serialization
