#pragma once

#include "tbmfg/corefilter.hpp"
#include "tbmfg/filterv.hpp"
#include "tbmfg/generator.hpp"
#include "tbmfg/graph.hpp"
#include "tbmfg/oracle.hpp"
#include "tbmfg/types.hpp"
#include "tbmfg/vfree.hpp"
