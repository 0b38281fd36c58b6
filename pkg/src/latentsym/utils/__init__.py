from .io_utils import dump_file, load_file
from .pydantic_utils import update_pydantic_model_with_dict
from .utils import complex_to_dict, principal_sqrt
