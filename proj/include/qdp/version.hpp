#ifndef QDP_VERSION_HPP
#define QDP_VERSION_HPP

namespace qdp {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qdp

#endif
