from .abc import Denoiser, DenoiserOutput, most_confident
from .exceptions import (CheckpointError, DenoiserError, EmptyCorpus, InvalidCorruptionLevel,
                         InvalidDistribution, SequenceTooLong, TokenOutOfRange,
                         TrainingDiverged)
from .loss import (mdlm_loss, mdlm_loss_and_grad, mdlm_loss_fixed, value_and_grad,
                   value_of)
from .optim import AdamW, clip_grad_norm
from .params import (CHECKPOINT_MAGIC, DenoiserParams, Hyperparameters, load_params,
                     save_params)
from .scripted_impl import ScriptedDenoiser
from .trainer import (MdlmExample, finetune_mdlm, fit_mdlm, hyperparameters,
                      train_base)
from .transformer_impl import TransformerDenoiser, as_denoiser, denoise_forward

__all__ = [
    "Denoiser",
    "DenoiserOutput",
    "TransformerDenoiser",
    "ScriptedDenoiser",
    "denoise_forward",
    "as_denoiser",
    "most_confident",
    "Hyperparameters",
    "DenoiserParams",
    "save_params",
    "load_params",
    "CHECKPOINT_MAGIC",
    "mdlm_loss",
    "mdlm_loss_fixed",
    "mdlm_loss_and_grad",
    "value_and_grad",
    "value_of",
    "AdamW",
    "clip_grad_norm",
    "MdlmExample",
    "hyperparameters",
    "fit_mdlm",
    "train_base",
    "finetune_mdlm",
    "DenoiserError",
    "SequenceTooLong",
    "TokenOutOfRange",
    "InvalidDistribution",
    "TrainingDiverged",
    "EmptyCorpus",
    "CheckpointError",
    "InvalidCorruptionLevel",
]
