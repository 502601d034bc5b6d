from tad_lab.config import (AblateConfig, AnalysisConfig, BaseTrainConfig, CollectConfig, DecodeConfig,
                            DenoiserConfig, DistillConfig, ExperimentConfig, SweepConfig, TasksConfig)


def tiny_config(out_dir: str, seed: int = 0) -> ExperimentConfig:
    return ExperimentConfig(
        seed=seed,
        out_dir=out_dir,
        model=DenoiserConfig(n_layers=1, width=8, n_heads=2, max_len=32),
        tasks=TasksConfig(
            names=["copy", "reverse", "arith"],
            min_len=2,
            max_len=3,
            max_terms=3,
            modulus=7,
            gen_len=4,
            train_size=16,
            eval_size=6,
        ),
        base_train=BaseTrainConfig(epochs=1, batch=8, lr=1e-2),
        collect=CollectConfig(n_prompts=6, filter=True),
        distill=DistillConfig(delta=2, epochs=1, batch=3, lr=1e-2),
        decode=DecodeConfig(gen_len=4, block_len=2),
        sweep=SweepConfig(thresholds=[0.0, 0.5, 2.0]),
        ablate=AblateConfig(deltas=[1, 4], lambdas=[0.0, 1.0]),
        analysis=AnalysisConfig(gap_ks=[2, 3], theorem_instances=5, calibrate_samples=8),
    )


def keep_all(config: ExperimentConfig) -> ExperimentConfig:
    """Same run with the oracle filter off; an untrained teacher rarely
    passes the oracle, and later stages need trajectories."""
    return config.model_copy(update={"collect": config.collect.model_copy(update={"filter": False})})
