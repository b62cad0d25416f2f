#pragma once

// Umbrella header.

#include "bstlab/complete_tree.hpp"
#include "bstlab/cost_model.hpp"
#include "bstlab/error.hpp"
#include "bstlab/experiment.hpp"
#include "bstlab/fit.hpp"
#include "bstlab/multisplay.hpp"
#include "bstlab/path_tree.hpp"
#include "bstlab/records.hpp"
#include "bstlab/reference_model.hpp"
#include "bstlab/splay.hpp"
#include "bstlab/tango.hpp"
#include "bstlab/validate.hpp"
#include "bstlab/workloads.hpp"
