#pragma once

#include "geoflow/error.hpp"
#include "geoflow/geometry/curve.hpp"
#include "geoflow/geometry/frenet.hpp"
#include "geoflow/geometry/measures.hpp"
#include "geoflow/geometry/resample.hpp"
#include "geoflow/geometry/shapes.hpp"
#include "geoflow/numerics/finite_difference.hpp"
#include "geoflow/numerics/ode.hpp"
#include "geoflow/trajectory.hpp"

#include "geoflow/csf/diagnostics.hpp"
#include "geoflow/csf/engine.hpp"
#include "geoflow/csf/kernels.hpp"
#include "geoflow/csf/soliton.hpp"

#include "geoflow/vfe/biot_savart.hpp"
#include "geoflow/vfe/diagnostics.hpp"
#include "geoflow/vfe/engine.hpp"
#include "geoflow/vfe/selfsimilar.hpp"

#include "geoflow/hasimoto/filament.hpp"
#include "geoflow/hasimoto/nlcse.hpp"
#include "geoflow/hasimoto/reconstruct.hpp"
