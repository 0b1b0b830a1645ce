#pragma once

#include "harris/dist_core.hpp"
#include "harris/error.hpp"
#include "harris/harris_discrete.hpp"
#include "harris/mo_transform.hpp"
#include "harris/processes.hpp"
#include "harris/random.hpp"
#include "harris/statcheck.hpp"
