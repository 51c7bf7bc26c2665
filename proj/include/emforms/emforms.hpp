#pragma once

#include "emforms/errors.hpp"
#include "emforms/form.hpp"
#include "emforms/junction.hpp"
#include "emforms/matching.hpp"
#include "emforms/moving_media.hpp"
#include "emforms/multi_index.hpp"
#include "emforms/quadrature.hpp"
#include "emforms/random.hpp"
#include "emforms/scalar_field.hpp"
#include "emforms/scenarios/cylinder.hpp"
#include "emforms/scenarios/solution.hpp"
#include "emforms/scenarios/sphere.hpp"
#include "emforms/spacetime.hpp"
