#pragma once

#include <string>

#include "hrrank/tensor.hpp"

namespace hrr {

// {"dims": [d1, d2, d3], "order": "slice-major", "data": [...]}
Tensor3 tensor_from_json(const std::string& text);
std::string tensor_to_json(const Tensor3& t);
Tensor3 load_tensor(const std::string& path);
void save_tensor(const std::string& path, const Tensor3& t);

// {"dims": [d1, d2, d3], "terms": [{"u": [...], "v": [...], "w": [...]}, ...]}
Decomposition decomposition_from_json(const std::string& text);
std::string decomposition_to_json(const Decomposition& d);
Decomposition load_decomposition(const std::string& path);
void save_decomposition(const std::string& path, const Decomposition& d);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hrr
