#include <hypalg/hypalg.h>

#include <stdio.h>

int main(void) {
  hypalg_family* family = NULL;
  hypalg_table* table = NULL;
  hypalg_axiom_report report;
  if (hypalg_family_preset("chebyshev-t", NULL, NULL, 0, &family) != HYPALG_OK) return 1;
  if (hypalg_table_build(family, 8, HYPALG_BACKEND_FLOAT, &table) != HYPALG_OK) return 1;
  if (hypalg_table_verify(table, 1e-12, 8, &report) != HYPALG_OK) return 1;
  printf("%s %d\n", hypalg_family_name(family), report.passed);
  hypalg_table_free(table);
  hypalg_family_free(family);
  return report.passed ? 0 : 1;
}
