#pragma once

// Streaming Max-SAT / Min-SAT toolkit: clause model, sampling and sketching
// primitives, the streaming pipelines, hard-instance generators, and the
// experiment harness.

#include "satstream/clause.hpp"
#include "satstream/clause_codec.hpp"
#include "satstream/errors.hpp"
#include "satstream/exact_solver.hpp"
#include "satstream/f0_sketch.hpp"
#include "satstream/hardness.hpp"
#include "satstream/harness.hpp"
#include "satstream/l0_sampler.hpp"
#include "satstream/lp.hpp"
#include "satstream/maxsat.hpp"
#include "satstream/minsat.hpp"
#include "satstream/reservoir.hpp"
#include "satstream/rng.hpp"
#include "satstream/space.hpp"
#include "satstream/stream.hpp"
