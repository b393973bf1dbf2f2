#pragma once

// Log-gamma, digamma and trigamma for positive real arguments.
// Computed via upward recurrence to a large argument followed by the
// asymptotic (Stirling-type) expansion.  Accuracy target: >= 12
// significant digits on (1e-6, 1e6).

namespace pcervm {

double log_gamma(double x);
double digamma(double x);
double trigamma(double x);

}  // namespace pcervm
