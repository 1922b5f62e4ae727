#ifndef LAMBDAH_LAMBDAH_HPP
#define LAMBDAH_LAMBDAH_HPP

#include "lambdah/error.hpp"
#include "lambdah/term.hpp"
#include "lambdah/syntax.hpp"
#include "lambdah/extraction.hpp"
#include "lambdah/machines.hpp"
#include "lambdah/gen.hpp"
#include "lambdah/equivalence.hpp"
#include "lambdah/lemma_suite.hpp"

#endif  // LAMBDAH_LAMBDAH_HPP
