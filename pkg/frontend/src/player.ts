// Single-slot audio playback: starting a new sound stops the previous one.

export interface Player {
  play(url: string): void;
  stop(): void;
}

export function createPlayer(): Player {
  let current: HTMLAudioElement | null = null;
  return {
    play(url: string): void {
      if (current) {
        current.pause();
        current.src = "";
      }
      current = new Audio(url);
      void current.play();
    },
    stop(): void {
      if (current) {
        current.pause();
        current.src = "";
        current = null;
      }
    },
  };
}
