#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hrings {

// Permutation of the four tetrahedron vertices {0,1,2,3}.
class Perm4 {
public:
    Perm4() : img_{0, 1, 2, 3} {}

    static Perm4 from_images(int a, int b, int c, int d) {
        Perm4 p;
        p.img_ = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                  static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)};
        std::array<bool, 4> seen{};
        for (int i = 0; i < 4; ++i) {
            if (a < 0 || p.img_[i] > 3 || seen[p.img_[i]])
                throw std::invalid_argument("Perm4: images are not a bijection of {0,1,2,3}");
            seen[p.img_[i]] = true;
        }
        return p;
    }

    static Perm4 transposition(int x, int y) {
        Perm4 p;
        std::swap(p.img_[x], p.img_[y]);
        return p;
    }

    int operator[](int i) const { return img_[i]; }

    Perm4 inverse() const {
        Perm4 p;
        for (int i = 0; i < 4; ++i) p.img_[img_[i]] = static_cast<std::uint8_t>(i);
        return p;
    }

    // (this ∘ other): apply `other` first, then `this`.
    Perm4 after(const Perm4& other) const {
        Perm4 p;
        for (int i = 0; i < 4; ++i) p.img_[i] = img_[other.img_[i]];
        return p;
    }

    bool is_odd() const {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img_[i] > img_[j]) ++inv;
        return inv % 2 == 1;
    }

    bool operator==(const Perm4& o) const { return img_ == o.img_; }
    bool operator!=(const Perm4& o) const { return img_ != o.img_; }

    std::string str() const {
        std::string s;
        for (int i = 0; i < 4; ++i) s += static_cast<char>('0' + img_[i]);
        return s;
    }

private:
    std::array<std::uint8_t, 4> img_;
};

// Parity of the 4-tuple (a,b,c,d) as a permutation of {0,1,2,3}; true if even.
inline bool even_tuple(int a, int b, int c, int d) {
    const int v[4] = {a, b, c, d};
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (v[i] > v[j]) ++inv;
    return inv % 2 == 0;
}

}  // namespace hrings
