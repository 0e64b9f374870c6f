#pragma once

#include "pmorse/error.hpp"
#include "pmorse/simplicial_complex.hpp"
#include "pmorse/homology.hpp"
#include "pmorse/collapse.hpp"
#include "pmorse/crosspolytope.hpp"
#include "pmorse/moves.hpp"
#include "pmorse/polytope.hpp"
#include "pmorse/gosset.hpp"
#include "pmorse/state_system.hpp"
#include "pmorse/cube_model.hpp"
#include "pmorse/morse_links.hpp"
#include "pmorse/certificate.hpp"
#include "pmorse/io.hpp"
#include "pmorse/report.hpp"
