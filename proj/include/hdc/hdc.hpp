#pragma once

#include "hdc/cic.hpp"
#include "hdc/classifier.hpp"
#include "hdc/cutoff.hpp"
#include "hdc/datagen.hpp"
#include "hdc/histogram.hpp"
#include "hdc/indicator.hpp"
#include "hdc/io.hpp"
#include "hdc/iris.hpp"
#include "hdc/matrix.hpp"
#include "hdc/metrics.hpp"
#include "hdc/scaling.hpp"
#include "hdc/union_classifier.hpp"
