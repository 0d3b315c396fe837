#pragma once

#include "padicdyn/bigint.hpp"
#include "padicdyn/classify.hpp"
#include "padicdyn/components.hpp"
#include "padicdyn/core.hpp"
#include "padicdyn/decomposition.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/induced.hpp"
#include "padicdyn/io.hpp"
#include "padicdyn/lift.hpp"
#include "padicdyn/normal_form.hpp"
#include "padicdyn/oracle.hpp"
#include "padicdyn/poly.hpp"
#include "padicdyn/quad_fixtures.hpp"
#include "padicdyn/valuation.hpp"
