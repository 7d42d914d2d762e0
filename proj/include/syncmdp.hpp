#ifndef SYNCMDP_HPP
#define SYNCMDP_HPP

#include "syncmdp/afa.hpp"
#include "syncmdp/always_strongly.hpp"
#include "syncmdp/analysis.hpp"
#include "syncmdp/cli.hpp"
#include "syncmdp/errors.hpp"
#include "syncmdp/eventually.hpp"
#include "syncmdp/fixtures.hpp"
#include "syncmdp/io.hpp"
#include "syncmdp/limits.hpp"
#include "syncmdp/mdp.hpp"
#include "syncmdp/oracle.hpp"
#include "syncmdp/query.hpp"
#include "syncmdp/rational.hpp"
#include "syncmdp/reach.hpp"
#include "syncmdp/sequence.hpp"
#include "syncmdp/state_set.hpp"
#include "syncmdp/strategy.hpp"
#include "syncmdp/synthesis.hpp"
#include "syncmdp/weakly.hpp"

#endif
