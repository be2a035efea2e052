#pragma once

#include "nilspec/boolean.hpp"
#include "nilspec/construct.hpp"
#include "nilspec/errors.hpp"
#include "nilspec/hom.hpp"
#include "nilspec/hom_search.hpp"
#include "nilspec/ideal.hpp"
#include "nilspec/morphism.hpp"
#include "nilspec/nilcomp.hpp"
#include "nilspec/report.hpp"
#include "nilspec/ring_spec.hpp"
#include "nilspec/rng.hpp"
#include "nilspec/space.hpp"
#include "nilspec/verify.hpp"
