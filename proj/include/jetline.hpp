#pragma once

#include "jetline/error.hpp"
#include "jetline/field.hpp"
#include "jetline/jet_ring.hpp"
#include "jetline/json_io.hpp"
#include "jetline/laurent.hpp"
#include "jetline/linalg.hpp"
#include "jetline/matrix.hpp"
#include "jetline/multipoly.hpp"
#include "jetline/p1.hpp"
#include "jetline/parse.hpp"
#include "jetline/projective.hpp"
#include "jetline/random.hpp"
