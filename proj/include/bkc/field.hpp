#ifndef BKC_FIELD_HPP
#define BKC_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bkc {

/// Prime field F_p with a runtime modulus. Elements are canonical residues
/// in [0, p).
class PrimeField {
public:
    using Elem = std::uint64_t;

    PrimeField() : p_(2) {}  // default field
    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
    }

    std::uint64_t characteristic() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<Elem>(r);
    }
    Elem add(Elem a, Elem b) const { return (a + b) % p_; }
    Elem sub(Elem a, Elem b) const { return (a + p_ - b) % p_; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % p_);
    }
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        // extended Euclid
        long long t = 0, newt = 1;
        long long r = static_cast<long long>(p_), newr = static_cast<long long>(a);
        while (newr != 0) {
            long long q = r / newr;
            long long tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        if (t < 0) t += static_cast<long long>(p_);
        return static_cast<Elem>(t);
    }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    std::string to_string(Elem a) const { return std::to_string(a); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint64_t p_;
};

/// The rationals with arbitrary-precision entries.
class RationalField {
public:
    using Elem = boost::multiprecision::cpp_rational;

    std::uint64_t characteristic() const { return 0; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const { return v; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("RationalField: inverse of zero");
        return 1 / a;
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string to_string(const Elem& a) const { return a.str(); }

    bool operator==(const RationalField&) const { return true; }
};

} // namespace bkc

#endif // BKC_FIELD_HPP
