#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>

// Always-on requirement: never compiled out in Release.
#define REQUIRE(cond, msg)                                                      \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg \
                      << "\n";                                                  \
            std::exit(1);                                                       \
        }                                                                       \
    } while (0)

static inline void REQUIRE_FINITE(double x, const char* name) {
    if (!std::isfinite(x)) {
        std::cerr << "[FAIL] Non-finite: " << name << " = " << x << "\n";
        std::exit(1);
    }
}

static inline double absd(double x) { return x < 0 ? -x : x; }
static inline double maxd(double a, double b) { return (a > b) ? a : b; }

static inline void requireCloseAbsOrRel(const char* name, double a, double b, double absTol,
                                        double relTol) {
    REQUIRE_FINITE(a, name);
    REQUIRE_FINITE(b, name);

    const double diff = absd(a - b);
    const double denom = maxd(absd(a), absd(b));
    const double rel = (denom > 0.0) ? (diff / denom) : diff;

    if (!(diff <= absTol || rel <= relTol)) {
        std::cerr << "[FAIL] " << name << " a=" << a << " b=" << b << " diff=" << diff
                  << " (absTol=" << absTol << ")"
                  << " rel=" << rel << " (relTol=" << relTol << ")\n";
        std::exit(1);
    }
}

static inline void requireCloseAbs(const char* name, double a, double b, double absTol) {
    REQUIRE_FINITE(a, name);
    REQUIRE_FINITE(b, name);
    const double diff = absd(a - b);
    if (!(diff <= absTol)) {
        std::cerr << "[FAIL] " << name << " a=" << a << " b=" << b << " diff=" << diff
                  << " (absTol=" << absTol << ")\n";
        std::exit(1);
    }
}

static inline void requireCloseComplex(const char* name, std::complex<double> a,
                                       std::complex<double> b, double absTol) {
    requireCloseAbs((std::string(name) + ".re").c_str(), a.real(), b.real(), absTol);
    requireCloseAbs((std::string(name) + ".im").c_str(), a.imag(), b.imag(), absTol);
}

static inline void requireExact(const char* label, double a, double b) {
    REQUIRE_FINITE(a, label);
    REQUIRE_FINITE(b, label);
    if (!(a == b)) {
        std::cerr << "[FAIL] " << label << " a=" << a << " b=" << b << "\n";
        std::exit(1);
    }
}

// The callable must throw std::domain_error whose message contains `fragment`.
// A missing throw or a mismatched message both fail (no vacuous pass).
static inline void requireDomainError(const char* label, const std::function<void()>& fn,
                                      const char* fragment) {
    try {
        fn();
    } catch (const std::domain_error& e) {
        if (std::string(e.what()).find(fragment) == std::string::npos) {
            std::cerr << "[FAIL] " << label << " threw domain_error with message \"" << e.what()
                      << "\" (expected it to contain \"" << fragment << "\")\n";
            std::exit(1);
        }
        return;
    } catch (const std::exception& e) {
        std::cerr << "[FAIL] " << label << " threw non-domain_error: " << e.what() << "\n";
        std::exit(1);
    }
    std::cerr << "[FAIL] " << label << " did not throw (expected domain_error containing \""
              << fragment << "\")\n";
    std::exit(1);
}
