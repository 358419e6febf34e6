#pragma once

// Umbrella header.

#include "qhpp/basket.hpp"
#include "qhpp/campaign.hpp"
#include "qhpp/chain.hpp"
#include "qhpp/curve.hpp"
#include "qhpp/enumerate.hpp"
#include "qhpp/fiber.hpp"
#include "qhpp/rational.hpp"
#include "qhpp/resolution.hpp"
#include "qhpp/scans.hpp"
