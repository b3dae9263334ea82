// pulls every public header into one translation unit
#include "gw/config.hpp"
#include "gw/cover.hpp"
#include "gw/engine.hpp"
#include "gw/errors.hpp"
#include "gw/exact.hpp"
#include "gw/geometry.hpp"
#include "gw/graphs.hpp"
#include "gw/hodge.hpp"
#include "gw/oracles.hpp"
#include "gw/report.hpp"
#include "gw/search.hpp"
#include "gw/series.hpp"

int gw_headers_selfcontained() { return 0; }
