#pragma once

// Umbrella header.

#include "cohiggs/rational.hpp"
#include "cohiggs/upoly.hpp"
#include "cohiggs/binform.hpp"
#include "cohiggs/form_matrix.hpp"
#include "cohiggs/bipoly.hpp"
#include "cohiggs/linalg.hpp"
#include "cohiggs/splitting.hpp"
#include "cohiggs/random.hpp"
#include "cohiggs/cohiggs.hpp"
#include "cohiggs/catalog.hpp"
#include "cohiggs/formulas.hpp"
#include "cohiggs/coherent.hpp"
#include "cohiggs/triples.hpp"
#include "cohiggs/json_io.hpp"
