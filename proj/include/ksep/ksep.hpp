// Umbrella header.
#pragma once

#include "ksep/dataset.hpp"
#include "ksep/gram.hpp"
#include "ksep/io.hpp"
#include "ksep/objectives.hpp"
#include "ksep/oracle.hpp"
#include "ksep/prox.hpp"
#include "ksep/simplex.hpp"
#include "ksep/solvers.hpp"
#include "ksep/synthetic.hpp"
#include "ksep/types.hpp"
