#pragma once

#include <string>

#include "summa/json_util.hpp"
#include "summa/seqcore/descriptor.hpp"

namespace summa::seq {

Json to_json(const SequenceDescriptor& d);
SequenceDescriptor descriptor_from_json(const Json& j);
// Canonical text; equal strings mean structurally equal descriptors.
std::string canonical_string(const SequenceDescriptor& d);
bool same_descriptor(const SequenceDescriptor& a, const SequenceDescriptor& b);

Json tail_to_json(const Tail& t);
Tail tail_from_json(const Json& j);

}  // namespace summa::seq
