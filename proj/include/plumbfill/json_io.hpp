#pragma once

#include "plumbfill/rbd.hpp"

#include <string>

namespace plumbfill {

// All documents carry a "v" schema field; decoding accepts the bare spec
// forms (no "v") as version 1.

std::string to_json(const SeifertData& d);
SeifertData seifert_from_json(const std::string& text);

std::string to_json(const PlumbingGraph& g);
PlumbingGraph plumbing_from_json(const std::string& text);

std::string to_json(const HomologyClass& c);
HomologyClass homology_class_from_json(const std::string& text);

std::string to_json(const LineArrangement& a);
LineArrangement arrangement_from_json(const std::string& text);

std::string to_json(const ConcaveCap& c);
ConcaveCap cap_from_json(const std::string& text);

std::string to_json(const RbdStep& s);
RbdStep step_from_json(const std::string& text);

std::string to_json(const FillingDescriptor& d);
FillingDescriptor filling_from_json(const std::string& text);

std::string to_json(const ReachabilityCertificate& c);

struct decode_error : domain_error {
    using domain_error::domain_error;
};

}  // namespace plumbfill
