#ifndef EKM_EKM_HPP
#define EKM_EKM_HPP

#include "ekm/appendix.hpp"
#include "ekm/classify.hpp"
#include "ekm/errors.hpp"
#include "ekm/extremal.hpp"
#include "ekm/io.hpp"
#include "ekm/kenergy.hpp"
#include "ekm/polynomial.hpp"
#include "ekm/rational.hpp"
#include "ekm/roots.hpp"
#include "ekm/scan.hpp"
#include "ekm/setup.hpp"
#include "ekm/stability.hpp"

namespace ekm {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
