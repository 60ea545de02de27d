#ifndef SH2_SH2_HPP
#define SH2_SH2_HPP

#include "sh2/error.hpp"
#include "sh2/elliptic.hpp"
#include "sh2/phase.hpp"
#include "sh2/expmap.hpp"
#include "sh2/root_functions.hpp"
#include "sh2/strata.hpp"
#include "sh2/conjugate.hpp"
#include "sh2/cloud.hpp"

#endif  // SH2_SH2_HPP
