#pragma once

namespace fks::specfun {

/// Gamma function on the real line.
///
/// Throws ErrorKind::pole at nonpositive integers and ErrorKind::overflow when
/// |Γ(x)| is not representable as a finite double.
double gamma_fn(double x);

/// 1/Γ(x), entire: returns exactly 0 at the poles of Γ and stays finite where
/// Γ itself would overflow.
double rgamma(double x);

/// log|Γ(x)| without touching the global signgam.
double lgamma_abs(double x, int* sign = nullptr);

/// sin(πx) with exact zeros at the integers.
double sinpi(double x);

}  // namespace fks::specfun
