#include "gk/tables.hpp"

namespace gk {

const std::vector<PainleveDataRow>& painleve_data_table() {
  static const std::vector<PainleveDataRow> rows{
      {"(0,theta0)(0,theta1)(0,thetat)(0,thetainf)",
       "P_VI((thetainf-1)^2/2, -theta0^2/2, theta1^2/2, (1-thetat^2)/2)"},
      {"(0,theta0)(1,theta1)(0,thetainf)", "P_V(thetainf^2/2, -(theta0+1)^2/2, theta1, -1/2)"},
      {"(0,theta0)(1/2,0)(0,thetainf)",
       "P_V(thetainf^2/2, -(theta0+1)^2/2, -2, 0) ~ P_III(-4(theta0-thetainf-1), -4(theta0+thetainf), 4, -4)"},
      {"(0,theta0)(2,thetainf)", "P_IV(thetainf, -2(theta0+1)^2)"},
      {"(0,theta0)(3/2,0)", "P_II(theta0-1/2)"},
      {"(1,theta0)(1,thetainf)", "P_III(4thetainf, -4theta0, 4, -4)"},
      {"(1,theta0)(1/2,0)", "P_III(-8, -4theta0, 0, -4)"},
      {"(1/2,0)(1/2,0)", "P_III(4, -4, 0, 0)"},
      {"(3,thetainf)", "P_II((1-thetainf)/2)"},
      {"(5/2,0)", "P_I"},
  };
  return rows;
}

const std::vector<PainleveSolutionRow>& painleve_solution_table() {
  static const std::vector<PainleveSolutionRow> rows{
      {"pv-rat", "P_V(theta^2/2, -theta^2/2, 0, -1/2)", "q=-1", "P_V-rat", "(0,theta-1)(1,0)(0,theta)", "SL2", true,
       false},
      {"pv-lag", "P_V(theta^2/2, -1/2, theta, -1/2)", "q=t/theta+1", "P_V-Lag", "(0,0)(1,theta)(0,theta)", "C_inf",
       false, true},
      {"pv-alg", "P_V(theta^2/2, -1/8, -2, 0)", "q=2sqrt(t)/theta+1", "P_V-alg", "(0,1/2)(1/2,0)(0,theta)", "D_inf",
       false, false},
      {"piv-rat", "P_IV(0, -2/9)", "q=-2t/3", "P_IV-rat", "(0,-2/3)(2,0)", "SL2", true, false},
      {"piv-her", "P_IV(0, -2)", "q=-2t", "P_IV-Her", "(0,0)(2,0)", "C_inf", true, true},
      {"piii-d6", "P_III(4theta, -4theta, 4, -4)", "q=sqrt(t)", "P_III^D6-alg", "(1,theta)(1,theta)", "SL2", true,
       false},
      {"piii-d8", "P_III(4, -4, 0, 0)", "q=sqrt(t)", "P_III^D8-alg", "(1/2,0)(1/2,0)", "D_inf", true, false},
      {"piii-d7", "P_III(-8, 0, 0, -4)", "q=(-t/2)^(1/3)", "P_III^D7-alg", "(1,0)(1/2,0)", "SL2", true, false},
      {"p34", "P_II(0)", "q=0", "P_34-rat", "(0,1/2)(3/2,0)", "D_inf", true, false},
      {"pii", "P_II(0)", "q=0", "P_II-rat", "(3,1)", "SL2", true, false},
  };
  return rows;
}

const std::vector<GarnierDataEntry>& nonclassical_list() {
  static const std::vector<GarnierDataEntry> list{
      {"(0,1/3)(1,0)(1,1)", "non-classical"},
      {"(1,0)(2,1)", "non-classical"},
      {"(1,0)(1,0)(1,1)", "non-classical", 3},
  };
  return list;
}

const std::vector<GarnierDataEntry>& classical_list() {
  static const std::vector<GarnierDataEntry> list{
      {"(0,1/2)(0,1/2)(0,1/2)(1/2,0)", "infinite discrete"},
      {"(0,1/2)(0,1/2)(0,theta1)(1,theta2)", "two-parameter"},
      {"(0,1/2)(1/2,0)(0,theta1)(0,theta2)", "two-parameter"},
      {"(0,0)(0,theta1)(0,theta2)(1,-theta1-theta2)", "two-parameter"},
      {"(0,1/2)(0,1/2)(2,theta)", "one-parameter"},
      {"(0,1/2)(1/2,0)(1,theta)", "one-parameter"},
      {"(1/2,0)(1/2,0)(0,theta)", "one-parameter"},
      {"(0,1/2)(3/2,0)(0,theta)", "one-parameter"},
      {"(0,0)(0,theta)(2,-theta)", "one-parameter"},
      {"(0,0)(1,theta)(1,-theta)", "one-parameter"},
      {"(1/2,0)(3/2,0)", "sporadic"},
      {"(0,1/2)(5/2,0)", "sporadic"},
      {"(0,0)(3,0)", "sporadic"},
  };
  return list;
}

}  // namespace gk
