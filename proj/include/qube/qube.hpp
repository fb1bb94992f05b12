#pragma once

// Umbrella header: the full library surface.

#include "qube/analysis.hpp"
#include "qube/bell.hpp"
#include "qube/errors.hpp"
#include "qube/layout.hpp"
#include "qube/linalg.hpp"
#include "qube/protocol.hpp"
#include "qube/report.hpp"
#include "qube/smolin.hpp"
#include "qube/states.hpp"
#include "qube/structured.hpp"
#include "qube/suites.hpp"
#include "qube/tensor.hpp"
#include "qube/weyl.hpp"
