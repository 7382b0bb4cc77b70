#pragma once

#include "toposcope/attack.hpp"
#include "toposcope/centrality.hpp"
#include "toposcope/error.hpp"
#include "toposcope/flow.hpp"
#include "toposcope/generators.hpp"
#include "toposcope/graph.hpp"
#include "toposcope/ingest.hpp"
#include "toposcope/parallel.hpp"
#include "toposcope/paths.hpp"
#include "toposcope/rankstats.hpp"
