#pragma once

#include "powergraph/beam_search.hpp"
#include "powergraph/bench.hpp"
#include "powergraph/configuration.hpp"
#include "powergraph/cp_model.hpp"
#include "powergraph/generator.hpp"
#include "powergraph/graph.hpp"
#include "powergraph/ilp_model.hpp"
#include "powergraph/io.hpp"
#include "powergraph/jaccard.hpp"
#include "powergraph/optimal_search.hpp"
#include "powergraph/oracle.hpp"
#include "powergraph/representative_edges.hpp"
#include "powergraph/search_state.hpp"
