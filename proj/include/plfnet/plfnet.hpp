#pragma once

#include "plfnet/exact.hpp"
#include "plfnet/matrix.hpp"
#include "plfnet/polynomial.hpp"
#include "plfnet/hermite.hpp"
#include "plfnet/l1_lp.hpp"
#include "plfnet/network.hpp"
#include "plfnet/decomposition.hpp"
#include "plfnet/plf_engine.hpp"
#include "plfnet/gpn.hpp"
#include "plfnet/structural.hpp"
#include "plfnet/pinning.hpp"
#include "plfnet/json_io.hpp"
#include "plfnet/pipeline.hpp"
#include "plfnet/random_network.hpp"
