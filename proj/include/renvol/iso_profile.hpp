#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace renvol {

/// Sampled isoperimetric profile V -> I(V) of a model end, together with
/// one-sided derivative estimates. Closed-form constructions fill the
/// derivatives exactly; profiles built from raw samples fall back to
/// three-point one-sided differences.
class IsoProfile {
  public:
    /// Raw samples; derivative estimates from one-sided finite differences.
    static IsoProfile from_samples(std::vector<double> V, std::vector<double> I,
                                   int chi_boundary, double core_volume);
    /// Samples with caller-supplied exact derivatives.
    static IsoProfile with_derivatives(std::vector<double> V, std::vector<double> I,
                                       std::vector<double> dI_plus,
                                       std::vector<double> dI_minus, int chi_boundary,
                                       double core_volume);

    int size() const { return static_cast<int>(V_.size()); }
    const std::vector<double>& V() const { return V_; }
    const std::vector<double>& I() const { return I_; }
    const std::vector<double>& dI_plus() const { return dIp_; }
    const std::vector<double>& dI_minus() const { return dIm_; }
    int chi_boundary() const { return chi_; }
    double core_volume() const { return core_volume_; }

  private:
    std::vector<double> V_, I_, dIp_, dIm_;
    int chi_ = -4;
    double core_volume_ = 0.0;

    void validate() const;
};

/// Profile of the end over a totally geodesic core surface of Euler
/// characteristic chi_surface <= -2 (both equidistant sheets counted):
/// I(r) = 2 A0 cosh^2 r, V(r) = A0 (r + sinh(2r)/2), A0 = -2 pi chi_surface.
IsoProfile fuchsian_profile(int chi_surface, const std::vector<double>& V_grid);

struct HawkingTrace {
    std::vector<double> V;
    std::vector<double> m_H;  // sqrt(I) (2 pi chi + I - (1/4) I'^2 I), I' = forward estimate
    bool monotone_ok;         // non-decreasing within 1e-6
    bool sign_ok;             // <= 0 within 1e-8
};
HawkingTrace hawking_mass(const IsoProfile& profile);

struct VrFromProfile {
    double raw_limit;    // lim V + |Omega_0| - I/2 + pi chi log sqrt(2 I / (pi |chi|))
    double v_r;          // raw_limit - (pi/2) chi
    double tail_spread;  // disagreement of successive tail extrapolants
};
VrFromProfile vr_from_profile(const IsoProfile& profile, double tolerance = 1e-4);

/// (1/2) lim (I_tg - I_m), with an internal consistency check against the
/// vr_from_profile difference (tolerance 1e-4).
double profile_difference(const IsoProfile& profile_tg, const IsoProfile& profile_m);

/// Brane action F_H = volume - area / (2H), defined for 0 < H < 1.
double brane_value(double area, double volume, double H);

struct ProfileChecks {
    double V_star;        // smallest sampled V beyond which I' > I/V holds throughout
    double last_ratio;    // I/V at the last sample
    double ratio_limit;   // tail-extrapolated lim I/V (2 for Fuchsian-type ends)
    bool inequality_ok;   // a finite V_star exists
    bool ratio_ok;        // |ratio_limit - 2| < 1e-4
};
ProfileChecks foliation_profile_checks(const IsoProfile& profile);

/// CSV: first line is a JSON comment header {chi_boundary, core_volume},
/// then V,I rows.
void export_profile_csv(const IsoProfile& p, std::ostream& out);
void export_profile_csv(const IsoProfile& p, const std::string& path);
IsoProfile import_profile_csv(std::istream& in);
IsoProfile import_profile_csv(const std::string& path);

void export_hawking_csv(const HawkingTrace& t, std::ostream& out);
void export_hawking_csv(const HawkingTrace& t, const std::string& path);

}  // namespace renvol
