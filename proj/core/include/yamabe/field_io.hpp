#pragma once

#include <string>

#include "yamabe/field.hpp"

namespace yamabe {

/// Writes the value table to `path` as CSV (columns m_index,cell_index,value,
/// 17 significant digits) and the factor metadata to `path + ".json"`.
/// The round trip load_field(save_field(u)) reproduces u bit-exactly.
void save_field(const Field& u, const std::string& path);

/// Loads a field written by save_field.  Throws IoError on unreadable files
/// and FormatError on schema violations (negative values, wrong cell count,
/// unknown variants, duplicate or missing entries).
Field load_field(const std::string& path);

} // namespace yamabe
