#pragma once

#include "w3nj/asymptotics.hpp"
#include "w3nj/geometry.hpp"
#include "w3nj/half_int.hpp"
#include "w3nj/oracle.hpp"
#include "w3nj/racah.hpp"
#include "w3nj/selftest.hpp"
#include "w3nj/sweep.hpp"
#include "w3nj/wigner_d.hpp"
