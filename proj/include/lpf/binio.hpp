#pragma once

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "lpf/common.hpp"

namespace lpf::binio {

// Fixed little-endian layout for all cache files regardless of host order.

inline void put_u32(std::ostream& os, u32 v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline void put_u64(std::ostream& os, u64 v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline void put_f64(std::ostream& os, double v) {
    u64 bits;
    std::memcpy(&bits, &v, 8);
    put_u64(os, bits);
}

inline u32 get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    u32 v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<u32>(b[i]) << (8 * i);
    return v;
}

inline u64 get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<u64>(b[i]) << (8 * i);
    return v;
}

inline double get_f64(std::istream& is) {
    u64 bits = get_u64(is);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace lpf::binio
