#pragma once

// Umbrella header: pulls in every auvkit module.

#include "auvkit/batch.hpp"
#include "auvkit/config.hpp"
#include "auvkit/control.hpp"
#include "auvkit/csv.hpp"
#include "auvkit/dynamics.hpp"
#include "auvkit/estimation.hpp"
#include "auvkit/evaluation.hpp"
#include "auvkit/frames.hpp"
#include "auvkit/params.hpp"
#include "auvkit/rng.hpp"
#include "auvkit/sensors.hpp"
#include "auvkit/simcore.hpp"
#include "auvkit/thrusters.hpp"
