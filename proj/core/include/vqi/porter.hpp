#ifndef VQI_PORTER_HPP
#define VQI_PORTER_HPP

#include <string>

namespace vqi {

// Classic Porter stemming algorithm (1980), lowercase ASCII input.
std::string porter_stem(const std::string& word);

}  // namespace vqi

#endif  // VQI_PORTER_HPP
