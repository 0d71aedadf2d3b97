#pragma once

#include "tsdd/vtree.hpp"
#include "tsdd/oracle.hpp"
#include "tsdd/core.hpp"
#include "tsdd/rules.hpp"
#include "tsdd/ops.hpp"
#include "tsdd/semantics.hpp"
#include "tsdd/compile.hpp"
