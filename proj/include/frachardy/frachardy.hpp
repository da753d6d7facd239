#pragma once

#include "frachardy/bisect.hpp"
#include "frachardy/certificate.hpp"
#include "frachardy/config.hpp"
#include "frachardy/domain.hpp"
#include "frachardy/grid.hpp"
#include "frachardy/kernel.hpp"
#include "frachardy/nonlocal.hpp"
#include "frachardy/report.hpp"
#include "frachardy/selftest.hpp"
#include "frachardy/solver.hpp"
