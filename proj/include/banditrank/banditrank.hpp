// Convenience umbrella for the whole library.
#pragma once

#include "banditrank/bundle.hpp"
#include "banditrank/csv.hpp"
#include "banditrank/evaluate.hpp"
#include "banditrank/experiment.hpp"
#include "banditrank/model.hpp"
#include "banditrank/pipeline.hpp"
#include "banditrank/policy.hpp"
#include "banditrank/report.hpp"
#include "banditrank/rng.hpp"
#include "banditrank/split.hpp"
#include "banditrank/standardize.hpp"
#include "banditrank/student_t.hpp"
#include "banditrank/suite.hpp"
#include "banditrank/surrogate.hpp"
#include "banditrank/synthetic.hpp"
#include "banditrank/train.hpp"
#include "banditrank/types.hpp"
