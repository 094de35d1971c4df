#pragma once

#include "fthresh/exactnum.hpp"
#include "fthresh/polyring.hpp"
#include "fthresh/idealkit.hpp"
#include "fthresh/nucore.hpp"
#include "fthresh/newton.hpp"
#include "fthresh/frobroot.hpp"
#include "fthresh/primesweep.hpp"
