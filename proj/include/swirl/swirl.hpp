#ifndef SWIRL_SWIRL_HPP
#define SWIRL_SWIRL_HPP

// swirl: swarm-accelerated document retrieval over a vector-space index,
// with a full retrieval-quality evaluation kit.

#include "swirl/corpus.hpp"
#include "swirl/errors.hpp"
#include "swirl/evaluation.hpp"
#include "swirl/index.hpp"
#include "swirl/porter.hpp"
#include "swirl/pso.hpp"
#include "swirl/report.hpp"
#include "swirl/rng.hpp"
#include "swirl/similarity.hpp"
#include "swirl/snapshot.hpp"
#include "swirl/stoplist.hpp"
#include "swirl/textprep.hpp"

#endif // SWIRL_SWIRL_HPP
