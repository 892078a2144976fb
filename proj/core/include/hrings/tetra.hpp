#pragma once

#include <array>

namespace hrings {

// Cyclic vertex order of face f (opposite vertex f) induced by the positive
// tetrahedron orientation: (f,a,b,c) is an even permutation of (0,1,2,3).
inline std::array<int, 3> face_cycle(int f) {
    switch (f) {
        case 0: return {1, 2, 3};
        case 1: return {0, 3, 2};
        case 2: return {0, 1, 3};
        default: return {0, 2, 1};
    }
}

// Remaining two vertices, in increasing order.
inline std::array<int, 2> other_two(int a, int b) {
    std::array<int, 2> out{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != a && v != b) out[k++] = v;
    return out;
}

inline int sixth(int a, int b, int c) { return 6 - a - b - c; }

}  // namespace hrings
