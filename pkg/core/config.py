from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field, field_validator


class Config(BaseSettings):
    # Paralelismo de las búsquedas exhaustivas (hilos por partición o por par).
    jobs: int = Field(1, description="Número de trabajadores para las búsquedas de equivalencia.")
    output_format: str = Field("text", description="Formato de salida por defecto del CLI: 'text' o 'json'.")
    portrait_self_loops: bool = Field(
        False,
        description="Si es True, los retratos DOT incluyen las flechas de los puntos fijos hacia sí mismos."
    )

    # Parámetros de verificación por corridas.
    run_probe_steps: int = Field(8, description="Índice discreto máximo k en la verificación por corridas.")
    corpus_size: int = Field(20, description="Número de funciones progresivas aleatorias del corpus por defecto.")
    corpus_seed: int = Field(0, description="Semilla del corpus aleatorio de funciones progresivas.")

    # Cotas de los oráculos de fuerza bruta.
    oracle_prefix_bound: int = Field(8, description="Longitud máxima del prefijo en el oráculo de lazos.")
    oracle_cycle_bound: int = Field(8, description="Longitud máxima del ciclo en el oráculo de lazos.")

    # Lectura de variables de entorno con prefijo XIPHI_ y del archivo .env.
    model_config = SettingsConfigDict(
        env_prefix="XIPHI_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Valida que los campos enteros sean positivos.
    @field_validator("jobs", "run_probe_steps", "corpus_size", "oracle_prefix_bound", "oracle_cycle_bound",
                     mode="before")
    def must_be_positive(cls, v, info):
        try:
            value = int(v)
        except (TypeError, ValueError):
            raise ValueError(f"{info.field_name} debe ser un entero")
        if value <= 0:
            raise ValueError(f"{info.field_name} debe ser mayor que cero")
        return value

    @field_validator("output_format", mode="before")
    def validate_output_format(cls, v):
        value = str(v).strip().lower()
        if value not in {"text", "json"}:
            raise ValueError("output_format debe ser 'text' o 'json'")
        return value

    # Acepta también cadenas como "true"/"false" para portrait_self_loops.
    @field_validator("portrait_self_loops", mode="before")
    def validate_self_loops(cls, v):
        if isinstance(v, str):
            lowered = v.lower()
            if lowered in {"true", "1", "yes"}:
                return True
            elif lowered in {"false", "0", "no"}:
                return False
            else:
                raise ValueError("portrait_self_loops debe ser convertible a booleano ('true'/'false')")
        return bool(v)


# Patrón Singleton para la configuración global.
_global_config: Config | None = None


def get_config() -> Config:
    """
    Retorna una instancia singleton de Config. Si aún no ha sido creada, se inicializa a partir
    de las variables de entorno XIPHI_* (y del archivo .env, si existe).
    """
    global _global_config
    if _global_config is None:
        try:
            _global_config = Config()
        except Exception as e:
            raise RuntimeError(f"Error al inicializar la configuración: {e}") from e
    return _global_config


def update_config(new_config: dict):
    """
    Actualiza la configuración global fusionando los valores actuales con new_config.
    El CLI lo usa para aplicar --jobs y --format sin reiniciar el proceso.
    """
    global _global_config
    try:
        if _global_config is None:
            _global_config = Config(**new_config)
        else:
            updated = _global_config.model_dump()
            updated.update(new_config)
            _global_config = Config(**updated)
    except Exception as e:
        raise RuntimeError(f"Error al actualizar la configuración: {e}") from e


def reset_config():
    """Descarta el singleton; la siguiente llamada a get_config() relee el entorno."""
    global _global_config
    _global_config = None
