#pragma once

#include "zgw/approx.hpp"
#include "zgw/bounds.hpp"
#include "zgw/common.hpp"
#include "zgw/gw.hpp"
#include "zgw/json_io.hpp"
#include "zgw/metric_point.hpp"
#include "zgw/metric_space.hpp"
#include "zgw/network.hpp"
#include "zgw/ot.hpp"
#include "zgw/paths.hpp"
#include "zgw/sampling.hpp"
