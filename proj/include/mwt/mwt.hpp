#pragma once

#include "mwt/corpus.hpp"
#include "mwt/evaluation.hpp"
#include "mwt/format.hpp"
#include "mwt/linguistic_filter.hpp"
#include "mwt/measures.hpp"
#include "mwt/normalization.hpp"
#include "mwt/pipeline.hpp"
#include "mwt/statistics.hpp"
#include "mwt/utf8.hpp"
