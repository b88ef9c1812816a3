#include "chenbounds/ambient.hpp"

#include <cmath>

namespace chen {

std::vector<Violation> validate_ambient(const AmbientPoint& a) {
  std::vector<Violation> out;
  const int d = a.dim();
  if (a.phi.dim() != d || a.h.dim() != d) {
    out.push_back({"dimension", std::abs(static_cast<double>(a.phi.dim() - d)) +
                                    std::abs(static_cast<double>(a.h.dim() - d))});
    return out;
  }
  const Mat& phi = a.phi.mat();
  const Mat& h = a.h.mat();
  const Vec xi = a.xi();

  auto check = [&out](const std::string& name, double residual) {
    if (residual > kStructureTol) out.push_back({name, residual});
  };

  // phi^2 = -I + eta (x) xi
  Mat target = -Mat::Identity(d, d);
  target(d - 1, d - 1) = 0.0;
  check("phi^2=-I+eta@xi", (phi * phi - target).cwiseAbs().maxCoeff());
  check("phi.xi=0", (phi * xi).cwiseAbs().maxCoeff());
  check("eta.phi=0", phi.row(d - 1).cwiseAbs().maxCoeff());
  // <phi X, phi Y> = <X,Y> - eta(X)eta(Y)
  Mat g = Mat::Identity(d, d);
  g(d - 1, d - 1) = 0.0;
  check("<phiX,phiY>=<X,Y>-eta.eta", (phi.transpose() * phi - g).cwiseAbs().maxCoeff());
  check("h.xi=0", (h * xi).cwiseAbs().maxCoeff());
  check("h.phi+phi.h=0", (h * phi + phi * h).cwiseAbs().maxCoeff());
  check("tr(h)=0", std::abs(h.trace()));
  check("tr(phi.h)=0", std::abs((phi * h).trace()));
  return out;
}

Vec curvature_component(const AmbientPoint& a, int idx, const Vec& x, const Vec& y, const Vec& z) {
  const int d = a.dim();
  if (x.size() != d || y.size() != d || z.size() != d)
    throw Error(Errc::DimensionMismatch, "curvature inputs must have ambient dimension");
  const Mat& phi = a.phi.mat();
  const Mat& h = a.h.mat();
  const Vec xi = a.xi();
  const double ex = AmbientPoint::eta(x), ey = AmbientPoint::eta(y), ez = AmbientPoint::eta(z);

  switch (idx) {
    case 1:
      return y.dot(z) * x - x.dot(z) * y;
    case 2: {
      Vec px = phi * x, py = phi * y, pz = phi * z;
      return x.dot(pz) * py - y.dot(pz) * px + 2.0 * x.dot(py) * pz;
    }
    case 3:
      return ex * ez * y - ey * ez * x + x.dot(z) * ey * xi - y.dot(z) * ex * xi;
    case 4: {
      Vec hx = h * x, hy = h * y;
      return y.dot(z) * hx - x.dot(z) * hy + hy.dot(z) * x - hx.dot(z) * y;
    }
    case 51: {
      Vec hx = h * x, hy = h * y;
      return hy.dot(z) * hx - hx.dot(z) * hy;
    }
    case 52: {
      Vec phx = phi * (h * x), phy = phi * (h * y);
      return phy.dot(z) * phx - phx.dot(z) * phy;
    }
    case 6: {
      Vec hx = h * x, hy = h * y;
      return ex * ez * hy - ey * ez * hx + hx.dot(z) * ey * xi - hy.dot(z) * ex * xi;
    }
    default:
      throw Error(Errc::BadIndex, "curvature component index must be one of 1,2,3,4,51,52,6");
  }
}

double ambient_curvature(const AmbientPoint& a, const Vec& x, const Vec& y, const Vec& z,
                         const Vec& w) {
  const int d = a.dim();
  if (x.size() != d || y.size() != d || z.size() != d || w.size() != d)
    throw Error(Errc::DimensionMismatch, "curvature inputs must have ambient dimension");
  Vec r = a.f.f1 * curvature_component(a, 1, x, y, z);
  if (a.f.f2 != 0.0) r += a.f.f2 * curvature_component(a, 2, x, y, z);
  if (a.f.f3 != 0.0) r += a.f.f3 * curvature_component(a, 3, x, y, z);
  if (a.f.f4 != 0.0) r += a.f.f4 * curvature_component(a, 4, x, y, z);
  if (a.f.f51 != 0.0) r += a.f.f51 * curvature_component(a, 51, x, y, z);
  if (a.f.f52 != 0.0) r += a.f.f52 * curvature_component(a, 52, x, y, z);
  if (a.f.f6 != 0.0) r += a.f.f6 * curvature_component(a, 6, x, y, z);
  return r.dot(w);
}

FCoefficients kappa_mu_coefficients(double c, double kappa, double mu) {
  FCoefficients f;
  f.f1 = (c + 3.0) / 4.0;
  f.f2 = (c - 1.0) / 4.0;
  f.f3 = (c + 3.0) / 4.0 - kappa;
  f.f4 = 1.0;
  f.f51 = 0.5;
  f.f52 = -0.5;
  f.f6 = 1.0 - mu;
  return f;
}

FCoefficients non_sasakian_divided_coefficients(double kappa, double mu) {
  if (kappa == 1.0) throw Error(Errc::SingularKappa, "kappa = 1 makes 1/(1-kappa) singular");
  FCoefficients f;
  f.f1 = (2.0 - mu) / 2.0;
  f.f2 = -mu / 2.0;
  f.f3 = (2.0 - mu - 2.0 * kappa) / 2.0;
  f.f4 = 1.0;
  f.f51 = (2.0 - mu) / (2.0 * (1.0 - kappa));
  f.f52 = (2.0 * kappa - mu) / (2.0 * (1.0 - kappa));
  f.f6 = 1.0 - mu;
  return f;
}

bool classify_sasakian(const FCoefficients& f) { return std::abs(f.f3 - (f.f1 - 1.0)) <= 1e-12; }

}  // namespace chen
