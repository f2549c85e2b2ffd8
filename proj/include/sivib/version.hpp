#ifndef SIVIB_VERSION_HPP
#define SIVIB_VERSION_HPP

namespace sivib {
inline constexpr const char* version = "0.1.0";
}

#endif
