"""Spectro-spatial reconstruction of hyperspectral cubes from Fabry-Perot
interferometric acquisitions."""

from .errors import CubeFileError, DivergenceError, ParameterError, ShapeError
from .forward_model import TransmittanceMatrix, TransmittanceSpec, add_noise, build_transmittance
from .metrics import QualityReport, quality_report, rmse, ssim
from .regularizers import Regularizer, RegularizerChoice
from .scenes import SceneSpec, generate_scene
from .solver import SolverConfig, SolverTrace, objective, reconstruct
from .tensor_core import InterferogramCube, SpectralCube

__version__ = "0.1.0"
