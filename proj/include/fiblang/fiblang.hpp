#pragma once

#include "fiblang/error.hpp"
#include "fiblang/union_find.hpp"
#include "fiblang/fincat.hpp"
#include "fiblang/fib.hpp"
#include "fiblang/groth.hpp"
#include "fiblang/factor.hpp"
#include "fiblang/mcg.hpp"
#include "fiblang/pregroup.hpp"
#include "fiblang/workspace.hpp"
#include "fiblang/dot.hpp"
