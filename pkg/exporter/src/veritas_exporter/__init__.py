"""Review-embedding exporter.

Runs every review of a corpus through a pretrained bidirectional transformer
encoder, pools the per-token hidden states into one vector per review, and
writes the FRVE file the main toolkit trains from.  The toolkit is consumed
purely through its documented external interfaces: the corpus directory/CSV
layouts (including review id rules) and the FRVE byte format.
"""

__version__ = "0.1.0"

from .export import ExportJob, export_embeddings
from .errors import ExporterError, TokenizationFailure, UnknownModel, WriteError

__all__ = [
    "__version__",
    "ExportJob",
    "export_embeddings",
    "ExporterError",
    "UnknownModel",
    "TokenizationFailure",
    "WriteError",
]
