#pragma once

#include "plumbfill/cap.hpp"
#include "plumbfill/config.hpp"
#include "plumbfill/seifert.hpp"

#include <string>

namespace plumbfill {

std::string export_dot(const PlumbingGraph& g);
std::string export_dot(const ConcaveCap& c);
std::string export_dot(const CurveConfiguration& c);

}  // namespace plumbfill
