#pragma once

#include "igusa/errors.hpp"
#include "igusa/coeff.hpp"
#include "igusa/poly.hpp"
#include "igusa/parse.hpp"
#include "igusa/ratfun.hpp"
#include "igusa/region.hpp"
#include "igusa/neron.hpp"
#include "igusa/counting.hpp"
#include "igusa/spf.hpp"
#include "igusa/sqh.hpp"
#include "igusa/analysis.hpp"
#include "igusa/json_io.hpp"
