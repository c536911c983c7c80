#pragma once

// Reference values from tests/oracles/lfunction_oracle.py (mpmath, 60 digits).

#include "tracecoeff/real.hpp"

#include <string>

namespace oracle {

inline tracecoeff::Real value(const char* decimal) { return tracecoeff::parse_real(decimal); }

inline const char* euler_gamma = "0.577215664901532860606512090082402431042159335939923598805767";
inline const char* stieltjes_gamma1 = "-0.0728158454836767248605863758749013191377363383343379525990066";
inline const char* zeta2 = "1.64493406684822643647241516664602518921894990120679843773556";
inline const char* zeta2_prime = "-0.937548254315843753702574094567864977897860288614829925885433";
inline const char* zeta3 = "1.20205690315959428539973816151144999076498629234049888179227";

inline const char* l1_m4 = "0.785398163397448309615660845819875721049292349843776455243736";
inline const char* l1_prime_m4 = "0.192901316796912429363189764028032785245096867620007527171349";
inline const char* l1_second_m4 = "-0.154141724429335883403954139823812548326959616281644897608648";
inline const char* lambda0_m4 = "0.646245439894813304266473396845792790022012912963157729330386";
inline const char* lambda1_m4 = "0.091464230929755176201516526466068551459017818803215691629692";
inline const char* l2_m4 = "0.915965594177219015054603514932384110774149374281672134266498";
inline const char* l2_prime_m4 = "0.0815807361165927951029121697859411514577388751988596261837409";

inline const char* l1_m3 = "0.604599788078072616864692752547385244094688749364246858523295";
inline const char* lambda0_m3 = "0.571647455643412055338547278782691115617387541579588473404798";
inline const char* lambda1_m3 = "0.123360130270455576167852989333047003299713322144831852564366";
inline const char* l2_m3 = "0.7813024128964862968671874296240923563651343365452854202221";

inline const char* l1_5 = "0.430408940964004038889433232950605425424570682540289654757006";
inline const char* l1_prime_5 = "0.356240647030761498864684586371273197296001017065169383497027";
inline const char* l1_second_5 = "-0.169065299451721031405607300822298687285690779691796205765568";
inline const char* lambda0_5 = "0.604679430068863694048828557118297000888439213881410396935496";
inline const char* lambda1_5 = "0.152435623154980616463297579243567293103750685643070083336439";

inline const char* l1_m20 = "1.40496294620814527863127492864097895989330183741344048399794";
inline const char* l1_8 = "0.623225240140230513394020080250568002650695312346567252898715";
inline const char* log_golden_ratio = "0.481211825059603447497758913424368423135184334385660519661018";
// Sum over Z^2 minus the origin of |X|^{-4}.
inline const char* lattice_sum_z2_t2 = "6.02681203969194012354626019272828558394179080725372412397898";

}  // namespace oracle

// |a - b| <= tol * max(1, |b|)
inline bool close_to(const tracecoeff::Real& a, const tracecoeff::Real& b, double tol) {
    using boost::multiprecision::abs;
    const tracecoeff::Real scale = abs(b) > 1 ? tracecoeff::Real(abs(b)) : tracecoeff::Real(1);
    return abs(a - b) <= tracecoeff::Real(tol) * scale;
}
