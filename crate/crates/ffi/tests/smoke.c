#include <stdio.h>
#include <string.h>
#include "ringgroom.h"

int main(void) {
    RgDecomposition *d = NULL;
    if (rg_build(7, 5, 2, false, 0, &d) != RG_STATUS_OK) return 10;
    RgReport r;
    if (rg_decomposition_verify(d, &r) != RG_STATUS_OK) return 11;
    if (!r.valid || r.drop_cost != 22) return 12;
    char *json = NULL;
    if (rg_decomposition_to_json(d, &json) != RG_STATUS_OK) return 13;
    RgDecomposition *back = NULL;
    if (rg_decomposition_from_json(json, &back) != RG_STATUS_OK) return 14;
    RgReport r2;
    rg_decomposition_verify(back, &r2);
    if (r2.drop_cost != 22 || !r2.valid) return 15;
    rg_string_free(json);
    rg_decomposition_free(back);
    rg_decomposition_free(d);
    if (rg_build(7, 9, 2, false, 0, &d) != RG_STATUS_INVALID_INSTANCE) return 16;
    if (rg_last_error() == NULL || strlen(rg_last_error()) == 0) return 17;
    uint64_t cost = 0;
    if (rg_cost_two_period(7, 5, 1, &cost) != RG_STATUS_OK || cost != 26) return 18;
    RgTriangleBound tb;
    if (rg_triangle_lower_bound(11, 2, &tb) != RG_STATUS_OK || tb.delta_min != 2) return 19;
    printf("ok\n");
    return 0;
}
