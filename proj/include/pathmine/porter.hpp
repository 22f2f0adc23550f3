#pragma once

#include <string>
#include <string_view>

namespace pathmine {

/// Porter's 1980 suffix-stripping stemmer (steps 1a to 5b, no later
/// extensions). Expects a lowercase ASCII word; words of one or two letters
/// are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace pathmine
