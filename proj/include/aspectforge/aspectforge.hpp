#ifndef ASPECTFORGE_ASPECTFORGE_HPP
#define ASPECTFORGE_ASPECTFORGE_HPP

#include "aspectforge/aspect_seed.hpp"
#include "aspectforge/concept_graph.hpp"
#include "aspectforge/corpus.hpp"
#include "aspectforge/errors.hpp"
#include "aspectforge/manews.hpp"
#include "aspectforge/model_input.hpp"
#include "aspectforge/pipeline.hpp"
#include "aspectforge/rng.hpp"
#include "aspectforge/rouge.hpp"
#include "aspectforge/salience.hpp"
#include "aspectforge/text.hpp"
#include "aspectforge/weak_supervision.hpp"

#endif  // ASPECTFORGE_ASPECTFORGE_HPP
