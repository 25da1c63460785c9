#ifndef PITCHGUARD_VERSION_HPP
#define PITCHGUARD_VERSION_HPP

namespace pitchguard {

inline constexpr const char* kVersion = "0.1.0";

} // namespace pitchguard

#endif
