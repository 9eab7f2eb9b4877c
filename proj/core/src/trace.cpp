#include "smopt/trace.hpp"

#include <cstdio>

namespace smopt {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void Trace::write_csv(std::ostream& os) const {
  os << "k,oracle_count,f_true,phi_eta,gen_grad_norm,moreau_surrogate,step,Lhat,ls_steps,reason\n";
  for (const TraceRow& r : rows) {
    os << r.k << ',' << r.oracle_count << ',' << format_g17(r.f_true) << ','
       << format_g17(r.phi_eta) << ',' << format_g17(r.gen_grad_norm) << ','
       << format_g17(r.moreau_surrogate) << ',' << format_g17(r.step) << ','
       << format_g17(r.Lhat) << ',' << r.ls_steps << ',' << r.reason << '\n';
  }
}

}  // namespace smopt
