#pragma once

#include "helmprop/absorber.hpp"
#include "helmprop/config.hpp"
#include "helmprop/fft.hpp"
#include "helmprop/grid.hpp"
#include "helmprop/index_profile.hpp"
#include "helmprop/io.hpp"
#include "helmprop/operator_builder.hpp"
#include "helmprop/parallel.hpp"
#include "helmprop/reference.hpp"
#include "helmprop/simulation.hpp"
#include "helmprop/svd_propagator.hpp"
