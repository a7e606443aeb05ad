#pragma once

// JSON encodings of the library's values. Fractions are "p/q" strings in lowest
// terms; object keys come out sorted, so equal values serialize identically.

#include "vvmf/hecke.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace vvmf {

using Json = nlohmann::json;

Json to_json(const CycNum& c);
CycNum cycnum_from_json(const Json& j);

Json to_json(const MetaElem& g);
MetaElem meta_from_json(const Json& j);  // {"m": [[a, b], [c, d]], "sign": +-1}; sign defaults to 1
Mat2 mat2_from_json(const Json& j);

IntMatrix gram_from_json(const Json& j);  // {"gram": [[...]]} or a bare matrix
/// Gram matrices, or (orders, qdiag, bmat) data.
DiscForm discform_from_json(const Json& j);
/// orders, qdiag, bmat, order, level, signature, gauss_sums for d | N, and gram when known.
Json to_json(const DiscForm& a);

/// Entries as a row-major array of CycNum; approx adds a float rendering under "approx".
Json to_json(const RepMatrix& m, bool approx = false);
RepMatrix repmatrix_from_json(const Json& j);

Json to_json(const FourierExpansion& f);
FourierExpansion expansion_from_json(const Json& j);

/// Tokens "S", "S^-1", "T^n", "Z^j" separated by spaces or commas.
Word parse_word(const std::string& text);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
std::string dump(const Json& j);  // two-space indent and a trailing newline

}  // namespace vvmf
