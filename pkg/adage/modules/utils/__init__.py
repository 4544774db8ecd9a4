'''initialize'''
from .modulebuilder import BaseModuleBuilder
from .logger import LoggerHandle, colorize, printtable, printfullline, smarttrunctable
from .configparse import readkeyvalues, loadoverrides, coercevalue, applyschema
from .misc import (
    GraphFormatError, ArtifactFormatError, ConfigError, TrainingDivergedError, StageError, touchdir, replacefile, writetextatomic,
    safefilename, stablehash, childseed, formatfloat, formatrow, readdatalines,
)
