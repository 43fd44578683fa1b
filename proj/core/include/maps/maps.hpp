#pragma once

#include "maps/data.hpp"
#include "maps/error.hpp"
#include "maps/knn.hpp"
#include "maps/manifold.hpp"
#include "maps/mask.hpp"
#include "maps/metrics.hpp"
#include "maps/oose.hpp"
#include "maps/secants.hpp"
#include "maps/selectors.hpp"
#include "maps/synth.hpp"
