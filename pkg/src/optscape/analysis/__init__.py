"""Meta-level analysis: feature matrices, PCA, clustering, trees, neighbors."""
from .cart import (
    Leaf,
    Split,
    TreeModel,
    cart_predict,
    cart_predict_many,
    cart_train,
    tree_depth,
    tree_to_dict,
)
from .cv import StratificationError, cart_trainer, repeated_stratified_cv, stratified_folds
from .kmeans import kmeans, silhouette_select, silhouette_widths
from .matrix import (
    CLASS_LABELS,
    FeatureMatrix,
    build_feature_matrix,
    drop_zero_variance,
    select_rows,
)
from .neighbors import nearest_bbob_neighbor
from .pca import PcaModel, pca_fit, pca_transform

__all__ = [
    "CLASS_LABELS",
    "FeatureMatrix",
    "Leaf",
    "PcaModel",
    "Split",
    "StratificationError",
    "TreeModel",
    "build_feature_matrix",
    "cart_predict",
    "cart_predict_many",
    "cart_train",
    "cart_trainer",
    "drop_zero_variance",
    "kmeans",
    "nearest_bbob_neighbor",
    "pca_fit",
    "pca_transform",
    "repeated_stratified_cv",
    "select_rows",
    "silhouette_select",
    "silhouette_widths",
    "stratified_folds",
    "tree_depth",
    "tree_to_dict",
]
