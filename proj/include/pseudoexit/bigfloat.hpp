#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace pseudoexit {

// Arbitrary-precision real with runtime-selectable precision. Used by the
// Gaver-Stehfest inversion path and by contour inversions that escalate out
// of double precision.
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

// The default precision of BigFloat is process-global, so extended-precision
// sections must not run concurrently. All callers in this library keep
// BigFloat work on a single thread.
class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned digits10)
        : saved_(BigFloat::default_precision()) {
        BigFloat::default_precision(digits10);
    }
    ~ScopedPrecision() { BigFloat::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

}  // namespace pseudoexit
