from .partitions import PartitionSet, compositions, dominates, format_partition, longest_chain, partitions
from .schur_algebra import SchurData, schur_algebra, schur_functor_image, schur_heredity_chain, tensor_space_intertwiner
from .symmetric_group import hecke_algebra, quadratic_relation_holds, symmetric_group_algebra
from .tensor_space import TensorSpace, tensor_space
