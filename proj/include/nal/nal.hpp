#pragma once

#include "nal/ast.hpp"
#include "nal/corpus.hpp"
#include "nal/harness.hpp"
#include "nal/io.hpp"
#include "nal/kernel.hpp"
#include "nal/model.hpp"
#include "nal/random.hpp"
#include "nal/report.hpp"
#include "nal/semantics.hpp"
#include "nal/surface.hpp"
