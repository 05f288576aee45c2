"""A reduced PSNR-versus-sample-count sweep with CSV and SVG output.

Three trials per cell keep this under a minute. Every scheme sees the same
scenes, so the columns are paired comparisons. Pass an output directory as
the first argument (default ``sweep_output``).
"""
import sys

from eqsamp import emit_outputs, load_config, mean_table, run_sweep

out_dir = sys.argv[1] if len(sys.argv) > 1 else "sweep_output"
config = load_config(dof_list=(1, 3), sample_counts=(6, 10, 14, 24), trials=3, out_dir=out_dir)
records, summary = run_sweep(config)

table = mean_table(summary)
print("mean PSNR (dB), clipped at", config.psnr_ceiling_db)
print("dof    m " + "".join(f"{s:>9}" for s in config.schemes))
for dof in config.dof_list:
    for m in config.sample_counts:
        print(f"{dof:3d} {m:4d} " + "".join(f"{table[(s, dof)][m]:9.1f}" for s in config.schemes))

for path in emit_outputs(records, config, summary):
    print("wrote", path)
