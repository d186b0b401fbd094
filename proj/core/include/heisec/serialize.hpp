// Versioned text encodings (JSON-shaped) for elements, descriptors,
// instances, reductions, certificates and witnesses. All integers travel as
// decimal strings so arbitrary precision survives the round trip.

#ifndef HEISEC_SERIALIZE_HPP
#define HEISEC_SERIALIZE_HPP

#include <string>

#include "heisec/gadgets.hpp"
#include "heisec/group.hpp"
#include "heisec/reductions.hpp"

namespace heisec {

inline constexpr int kFormatVersion = 1;

std::string encode_descriptor(const GroupDescriptor& g);
GroupDescriptor decode_descriptor(const std::string& text);

std::string encode_element(const AmbientElement& e);
AmbientElement decode_element(const GroupDescriptor& g, const std::string& text);

std::string encode_instance(const ProductInstance& instance);
ProductInstance decode_instance(const std::string& text);
ProductInstance load_instance_file(const std::string& path);

std::string encode_reduction(const SectionReduction& red);
SectionReduction decode_reduction(const std::string& text);
SectionReduction load_reduction_file(const std::string& path);

/// Query element file: {"version":1,"element":...} over the given group.
AmbientElement load_element_file(const std::string& path, const GroupDescriptor& g);
std::string encode_element_file(const AmbientElement& e);

std::string encode_certificate(const GadgetCertificate& cert);
std::string encode_equivalence_report(const EquivalenceReport& report);
std::string encode_witness_record(const std::string& reduction_ref, const AmbientElement& query,
                                  const Word& word,
                                  const std::vector<AmbientElement>& factorization);

std::string encode_superincreasing(const SuperIncreasingSequence& g);
std::string encode_unique_product(const UniqueProductGadget& g);
std::string encode_h5_vectors(const H5VectorGadget& g);
std::string encode_polygon(const PolygonGadget& g);

/// Human-readable listing of a reduction (the plain-text-summary export).
std::string reduction_summary_text(const SectionReduction& red);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace heisec

#endif
