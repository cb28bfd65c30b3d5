#pragma once

#include <string_view>

// Data files compiled into the library (see core/data/).
namespace castml::embedded {

std::string_view math_symbols_tsv();
std::string_view runtime_js();
std::string_view stylesheet_css();

}  // namespace castml::embedded
