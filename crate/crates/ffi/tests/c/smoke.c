#include <math.h>
#include <stdio.h>
#include "casimir.h"

int main(void) {
    CasimirPolicy *p = casimir_policy_default();
    CasimirValue e, f;
    if (casimir_fermion_energy(p, 1.0, 1.0, 1.0, 0.0, &e) != CASIMIR_STATUS_OK) return 1;
    if (casimir_fermion_force(p, 1.0, 1.0, 1.0, 0.0, CASIMIR_AXIS_A, &f) != CASIMIR_STATUS_OK) return 2;
    if (fabs(e.value + 0.0489) > 5e-4 || fabs(f.value + 0.0163) > 5e-4) return 3;
    if (casimir_fermion_energy(p, -1.0, 1.0, 1.0, 0.0, &e) != CASIMIR_STATUS_INVALID_ARGUMENT) return 4;
    if (casimir_last_error() == NULL) return 5;
    casimir_policy_free(p);
    printf("%.17g %.17g %s\n", e.value, f.value, casimir_version());
    return 0;
}
