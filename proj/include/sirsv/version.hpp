#ifndef SIRSV_VERSION_HPP
#define SIRSV_VERSION_HPP

namespace sirsv {
inline constexpr const char* kArtifactVersion = "0.1.0";
}

#endif
